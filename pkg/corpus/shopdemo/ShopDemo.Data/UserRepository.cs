using System;
using ShopDemo.Data.Db;
using ShopDemo.Data.Entities;

namespace ShopDemo.Data
{
    public class UserRepository : IUserRepository
    {
        public int Save(User user)
        {
            return SqlRunner.Execute("insert into users");
        }

        public User FindByLogin(string login)
        {
            SqlRunner.Scalar("select top 1 from users");
            return new User();
        }
    }
}
