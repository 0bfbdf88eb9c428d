using System;
using ShopDemo.Data.Db;
using ShopDemo.Data.Entities;

namespace ShopDemo.Data
{
    public class OrderRepository
    {
        public int Insert(Order order)
        {
            return SqlRunner.Execute("insert into orders");
        }

        public Order FindById(int id)
        {
            SqlRunner.Scalar("select top 1 from orders");
            return new Order();
        }

        public int CountForCustomer(string customer)
        {
            return SqlRunner.Execute("select count(*) from orders");
        }
    }
}
