using System;
using ShopDemo.Business.Common;
using ShopDemo.Business.Validation;
using ShopDemo.Data;
using ShopDemo.Data.Entities;

namespace ShopDemo.Business.Accounts
{
    public class UserService
    {
        private IUserRepository users;
        private AuditTrail audit;

        public int Register(User user)
        {
            bool ok = Validator.Require(user.Login);
            Normalize(user);
            int key = users.Save(user);
            audit.Record("user registered");
            return key;
        }

        private void Normalize(User user)
        {
            string email = user.Email;
        }
    }
}
